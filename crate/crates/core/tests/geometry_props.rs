use e8trig::cubic::{collinear_test, embed_with_line_class, param_point, CubicKind};
use e8trig::delpezzo::{config_from_chi_unchecked, confirm_failure, general_position, run_pipeline, GeneralPosition};
use e8trig::exact::{determinant, BinForm, Matrix};
use e8trig::picard::{default_simple_system, enumerate_roots, Character, CharacterMode};
use e8trig::scalar::{q, q_frac, Rational};
use e8trig::trigonal::{invariant_signature, smoothness_check, Smoothness};
use num_traits::Zero;
use proptest::prelude::*;

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(n, d)| q_frac(n, d))
}

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q_frac(n, d))
}

fn kind() -> impl Strategy<Value = CubicKind> {
    prop_oneof![Just(CubicKind::Nodal), Just(CubicKind::Cuspidal)]
}

fn character(mode: CharacterMode) -> impl Strategy<Value = Character> {
    let vals = match mode {
        CharacterMode::Multiplicative => proptest::collection::vec(nonzero_rat(), 8).boxed(),
        CharacterMode::Additive => proptest::collection::vec(rat(), 8).boxed(),
    };
    vals.prop_map(move |v| Character::new(mode, v.try_into().unwrap()).unwrap())
}

/// Characters of either mode, roughly half of them on a root hyperplane.
fn any_character() -> impl Strategy<Value = Character> {
    let mode = prop_oneof![Just(CharacterMode::Multiplicative), Just(CharacterMode::Additive)];
    (mode.prop_flat_map(character), 0usize..480).prop_map(|(chi, pick)| {
        if pick >= 240 {
            return chi;
        }
        let root = enumerate_roots()[pick];
        let n = default_simple_system().coordinates(&root).unwrap();
        n.iter().position(|c| c.abs() == 1).and_then(|k| chi.place_on_hyperplane(&root, k).ok()).unwrap_or(chi)
    })
}

fn det3(rows: [&[Rational; 3]; 3]) -> Rational {
    determinant(&Matrix::from_fn(3, 3, |i, j| rows[i][j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn collinearity_matches_parameters(k in kind(), a in nonzero_rat(), b in nonzero_rat(), c in nonzero_rat()) {
        let (p, q, r) = (param_point(k, &a).unwrap(), param_point(k, &b).unwrap(), param_point(k, &c).unwrap());
        prop_assume!(a != b && b != c && a != c);
        let report = collinear_test(&p, &q, &r).unwrap();
        prop_assert_eq!(report.collinear, report.parameter_identity);
    }

    #[test]
    fn embedding_has_requested_line_class(k in kind(), lam in nonzero_rat(), a in nonzero_rat(), b in nonzero_rat()) {
        prop_assume!(a != b);
        let emb = embed_with_line_class(k, &lam).unwrap();
        let third = match k {
            CubicKind::Nodal => lam.clone() / (&a * &b),
            CubicKind::Cuspidal => &lam - &a - &b,
        };
        prop_assume!(!third.is_zero() || k == CubicKind::Cuspidal);
        let pts = [emb.point(&a).unwrap(), emb.point(&b).unwrap(), emb.point(&third).unwrap()];
        prop_assert!(det3([&pts[0], &pts[1], &pts[2]]).is_zero());
        for p in &pts {
            prop_assert!(emb.equation.eval(p).is_zero());
        }
        if third != a && third != b {
            prop_assert_eq!(emb.third_on_line(&a, &b).unwrap(), third);
        }
    }

    #[test]
    fn general_position_iff_rss(chi in any_character(), base in nonzero_rat()) {
        let cfg = match config_from_chi_unchecked(&chi, &base) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        match general_position(&cfg) {
            GeneralPosition::Pass => prop_assert!(chi.is_regular_semisimple()),
            GeneralPosition::Fail(cert) => {
                prop_assert!(!chi.is_regular_semisimple());
                prop_assert!(confirm_failure(&cfg, &cert));
            }
        }
    }

    #[test]
    fn signature_is_gl2_and_scale_invariant(
        coeffs in proptest::collection::vec(-4i64..=4, 13),
        m in proptest::collection::vec(-3i64..=3, 4),
        c in nonzero_rat(),
    ) {
        let f = BinForm::new(coeffs.iter().map(|&x| q(x)).collect());
        prop_assume!(!f.is_zero());
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det != 0);
        let g = f.substitute([[q(m[0]), q(m[1])], [q(m[2]), q(m[3])]]).scale(&c);
        prop_assert_eq!(invariant_signature(&f).unwrap(), invariant_signature(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn pipeline_outputs_are_smooth_and_base_independent(chi in character(CharacterMode::Additive), b1 in rat(), b2 in rat()) {
        prop_assume!(chi.is_regular_semisimple());
        let r1 = run_pipeline(&chi, &b1).unwrap();
        let r2 = run_pipeline(&chi, &b2).unwrap();
        prop_assert_eq!(r1.sextic.ladder, [2, 4, 7, 22]);
        prop_assert_eq!(smoothness_check(&r1.marked.curve), Smoothness::Smooth);
        let sig = |r: &e8trig::delpezzo::PipelineRun| invariant_signature(&r.marked.curve.ramification_form().unwrap()).unwrap();
        prop_assert_eq!(sig(&r1), sig(&r2));
    }
}
